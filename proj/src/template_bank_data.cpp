#include "rcgen/templates.hpp"

namespace rcgen {

// Instruction template resource. One template per line, grouped by
// [task] / [task#variant] headers; "\n" inside a template is a literal
// escape expanded at rendering time.
const char* const kBuiltinTemplateText = R"BANKTEXT([relation_qa]
What is the relation between <subject> and <object>?
Describe the relation between <subject> and <object>?
Assist me in finding the relation between <subject> and <object> in the photo.
In the given image, could you find and tell me the relation between <subject> and <object>?
I need help identifying the relation between <subject> and <object>. Can you point it out in this image?
What is the relation between <subject> and <object> in this picture?
Could you describe the relation between <subject> and <object> in this image?
I'm having trouble identifying the relation between <subject> and <object>. Could you clarify it for me in this image?
Can you help me understand the relationship between <subject> and <object> in this image?
I'm trying to understand the relation between <subject> and <object>. Can you help me by describing it?
I need some assistance in identifying the relation between <subject> and <object> in this image.
In this image, can you find and describe the relation between <subject> and <object> for me?
Could you please explain the relation between <subject> and <object>.

[relation_detect#1]
Assist me in locating the position of all the objects <relation> the <subject>?
I want to know the coordinates of all the objects <relation> the <subject>?
Detect all the objects have a relationship <relation> with the <subject> and output there locations.
There are some objects that are <relation> the <subject>. Could you tell me there locations?
Identify all the objects that have a relationship <relation> with the <subject>. Where are they located?
Please locate all the objects that are <relation> the <subject> and provide their coordinates.
Find all the objects that have a relation of <relation> with the <subject>. Can you give me their positions?
Point out the objects that are <relation> the <subject>. Where can I find them?
I need to locate all the objects that are <relation> the <subject>. Can you assist me with this task?
Could you help me find all the objects that have a relation of <relation> with the <subject>? Please provide their locations.
Please detect all the objects that are <relation> the <subject>. Output their positions.
Identify and provide the coordinates of all objects that are <relation> the <subject>.
Find the objects that have a relation of <relation> with the <subject>. Where are they situated?
What objects have the relation of <relation> with the <subject>? Could you locate them for me?
Can you help me locate all the objects that are <relation> the <subject> and give me their positions?
Output the positions of all objects that have a relation of <relation> with the <subject>.
Identify the objects that are <relation> the <subject>. Where are they located?
Please locate all the objects that are <relation> the <subject> and provide their positions.

[relation_detect#2]
Assist me in identifying the categories of all the objects <relation> by the <subject>?
Detect all the objects <relation> by the <subject> and output there categories, respectively.
There are some objects that are <relation> the <subject>. Could you tell me there categories?
I want to know the categories of all the objects whose relation is <relation> with the <subject>?
Identify the object categories that are <relation> the <subject>.
Find all objects that are related to <subject> using the relationship <relation>, and categorize them.
Your task is to recognize and classify all objects that are <relation> by the <subject>.
Please determine the categories of all objects that are <relation> by the <subject>.
Can you identify the categories of objects <relation> the <subject>?
Your job is to identify all objects that <relation> the <subject> and list their categories.
Detect and categorize all objects that are <relation> the <subject>.
I need you to determine the categories of all objects that <relation> the <subject>.
Identify and classify all objects that are <relation> the <subject>.
Please identify the categories of all objects that are <relation> the <subject>.
Please help me identify the object categories whose relationship is <relation> with <subject>.
Recognize and categorize all objects that are related to <subject> using the relationship <relation>.
I need you to categorize all objects that is related to <subject> with relationship as <relation>.

[relation_detect#3]
Your task is to locate all objects that have a relation <relation> with <subject> and classify them.
I need you to categorize and locate all objects that is related to <subject> with relationship as <relation>.
Please locate and categorize all the objects that have a relation of <relation> with <subject>.
Assist me in locating and classifying all the objects <relation> the <subject>?
Find all the objects that have a relation of <relation> with the <subject>. Can you give me their positions and categories
Your task is to locate all objects that have a relation <relation> with <subject> and classify them.
I need you to categorize and locate all objects that is related to <subject> with relationship as <relation>.
Please locate and categorize all the objects that have a relation of <relation> with <subject>.
Assist me in locating and classifying the position of all the objects <relation> the <subject>?
Find all the objects that have a relation of <relation> with the <subject>. Can you give me their positions and categories?
Your task is to locate and classify all objects that are related to <subject> using the relationship <relation>.
I need you to locate and categorize all objects having a relationship <relation> with the given <subject>.
Find all objects related to <subject> with the relationship <relation>. Categorize and locate them for me.
Your objective is to locate and classify the objects that are related to <subject> through the relationship <relation>.
I require you to detect and categorize all objects that have a relationship <relation> with <subject>.
Please find and classify all objects that has a relationship <relation> with <subject>.
Assist me in locating and categorizing all objects that related to <subject> with the relationship <relation>.
Find all objects that are related to <subject> using the relationship <relation>. Categorize and locate their positions.
Your task is to identify and classify all objects related to <subject> through the relationship <relation>.
I need you to locate and categorize all objects that have a relationship <relation> with <subject>.
Assist me in locating and classifying all objects that are related to <subject> through the relationship <relation>.
Find all the objects that has a relationship <relation> with <subject>. Categorize and locate their positions for me.

[spatial#1]
Identify the objects located at <loc> of <object>. Please classify them by category and provide their locations.
I need to know what objects are present at <loc> of <object>. Can you help me locate and categorize them?
Find all the objects at <loc> of <object>. Please provide me with their categories and locations.
I want to know the categories and positions of the objects located at <loc> of <object>.
Locate and classify all the objects at <loc> of <object>.
Could you tell me the categories and positions of the objects present at <loc> of <object>?
Help me locate and categorize all the objects at <loc> of <object>.
I need to know the categories and locations of the objects at <loc> of <object>.
What are the categories and positions of the objects located at <loc> of <object>?
Identify and locate all the objects at <loc> of <object>. I need their categories and positions.
I want to know the categories and positions of the objects at <loc> of <object>.
Locate and classify all the objects at <loc> of <object>. Please provide me with their categories and positions.

[spatial#2]
What are the categories of the objects located at <loc> of <object>?
Detect and classify all the objects at <loc> of <object>. I need to know their categories.
Please find and categorize all the objects present at <loc> of <object>.
Give the categories of all the objects you can find at <loc> of <object>.
I need you to find and categorize all the objects that are at <loc> of <object>.
Please provide me with the categories of all the objects present at <loc> of <object>.
What types of objects are located at <loc> of <object>? Please list their categories.
Please find all the objects at <loc> of <object> and give me their categories.
What are the categories of the objects that are present at <loc> of <object>?
I need you to classify all the objects located at <loc> of <object>.
Please give me the categories of all the objects that are located at <loc> of <object>.

[spatial#3]
What are the coordinates of the objects located at <loc> of <object>?
Detect and give the coordinates of all the objects at <loc> of <object>.
Please find and locate all the objects present at <loc> of <object>.
Give the detail locations of all the objects you can find at of <loc> <object>.
Locate all the objects and give there coordinates found at <loc> of <object>.
What are the positions of all the objects at <loc> of <object>?
Can you find and list the positions of all the objects present at <loc> of <object>?
Provide the coordinates of objects located at <loc> of <object>.
List and indicate the positions of all objects at <loc> of <object>.
Enumerate and specify the positions of all objects found at <loc> of <object>.
What objects are situated at <loc> of <object> and where precisely are they located?
What are the coordinates of all objects found at <loc> of <object>?

[counting#1]
Can you tell me how many <category> are present in this picture?
I need to know the number of <category> in this image.
Count how many <category> are in this picture.
Please determine the quantity of <category> shown in this image.
How many instances of <category> can you find in this picture?
I would like to know how many <category> are visible in this image.
Count the number of <category> that you see in this picture.
Please provide me with the count of <category> in this image.
How many objects of <category> are in this image?
Can you count the items of <category> in this picture?
What is the total number of <category> in this image?
How many <category> can you spot in this image?
Please determine the quantity of <category> in this image.
Count the number of <category> that appear in this picture.
How many <category> are in the picture?
Counting the number of <category> appeared in the image.
Please give me the number of <category> appeared in the image.

[counting#2]
How many objects in the image are of the same category as <object>?
Count the number of objects in the image that are similar to <object> in category.
What is the total count of objects that share the same category as <object> in the image?
How many objects in the image have the same category as <object>?
Count all the objects in the image that fall under the same category as <object>.
What is the number of objects that share the same category as <object> in the image?
Count the objects that belong to the same category as <object> in the image.
How many objects of the same category as the object represented by <object> appear in the image?
Count all the instances whose category is the same as <object> present in the image.

[detection#1]
Locate and mark the positions of all <category> in the image.
Find all the instances of <category> in the image and indicate their respective locations.
Spot and record the coordinates of every <category> present in the image.
Identify the <category> in the image and provide their precise locations.
Can you determine the positions of all the <category> in the image and list them?
Pinpoint the <category> in the image and give me their exact coordinates.
Locate all the <category> in the image and provide their locations in detail.
Detect and report the locations of all the <category> present in the image.
Find and list the locations of every <category> in the image.
Please identify the <category> in the image and give me their locations.
Provide me with the precise locations of all the <category> in the image.
Detect and record the positions of the <category> in the image.
Spot all the instances of <category> in the image and give me their coordinates.
Detect all the <category> in the image, and output there location.
There are some <category> in the image, could you help me to locate them and give me their coordinates.
What are the coordinates of the <category> in the image.
Give the detail locations of all the <category> you can find in the image.

[detection#2]
Locate all the items in the picture that share the same category as <object> and provide their coordinates.
Spot every object that belongs to the same category as <object> and indicate their positions.
Identify all the objects that fit the same category as <object> and display their coordinates.
Find all the objects that have a similar classification as <object> and output their locations.
Locate and report the coordinates of all the objects that share the category with <object>.
Detect all the objects in the image that have the same classification as <object> and provide their positions.
Spot all the objects that belong to the same category as <object> and show their coordinates.
Identify every instance that falls under the same category as <object> and report their locations.
Find and output the coordinates of all the objects that have the same category as <object>.
Locate all the objects in the picture that have a similar classification as <object> and display their positions.
Detect and report the positions of all the objects that share the category with <object>.
Spot every instance that has a similar classification as <object> and indicate its coordinates.
Identify all the objects that have the same classification as <object> and output their positions.
Find all the objects that belong to the same category as <object> and report their locations.
Locate and output the coordinates of all the items that have a similar category as <object>.
Detect all the instances in the image which have the same category with <object>, and output there location.
Detect and report the locations of all the instances present in the image, these instances should have similar category with <object>.
Given an <object>, please help me to find all the instances with the same category. The output should be the coordinates of detected instances.

[multichoice_vqa]
Please take a look at the image and select the correct answer for <question> from the options given below \n<options>.
Examine the image and select the best matched answer to the question: <question> from the options given below\n<options>.
There are some options\n<options>. I have a question for you: <question> Can you select the best matched answers from the given options based on the image?
Regarding the image, you need to identify the correct answer to the question <question> from the given options\n<options>.
Analyzing the image, can you identify the best matched answer to <question> from the given options\n<options>.
Looking at the image, can you quickly answer my question: <question>. Some potential answers are given in the following options\n<options>.
Referring to the image, please select the answer for this question: <question> from the options\n<options>.
Could you please check the image and select the answer for my question: <question> from the options\n<options>.
Here is an image and a question: <question> for you. Please select an option that can answer the question from the given options\n<options>.
For this image, I want to know which option can answer my question: <question> correctly. The options are\n<options>.
Take a look at the image, can you select the best matched answer to the following question: <question> from following options\n<options>.
Considering these options\n<options>. I need a correct selection from these options that can answer this question: <question> in regards to the image.
[grounding]
Please locate <category> in the image and provide its coordinates.
Where is <category> in the image? Give the coordinates.
Find <category> in the image and output its bounding box.
Give me the coordinates of <category> in the image.
Locate <category> in the image.
Output the bounding box of <category> in the image.

[ground_caption]
Provide a short description of the object at <object> in the image.
Describe the object at <object> briefly.
What is the object at <object>? Give a short description.
Give a brief description of the object located at <object>.
Describe the object at <object> in a few words.
What can you see at <object>? Describe it briefly.
)BANKTEXT";

}  // namespace rcgen
